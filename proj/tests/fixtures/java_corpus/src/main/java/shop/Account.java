package shop;

import java.util.List;

/** Accounts. */
public class Account {
    private static final int DEFAULT = 10;
    private String name;
    private int id;
    private long balance;

    public Account(int id) {
        this.id = id;
    }

    public Account() {
        this(0);
    }

    public String getName() {
        return name;
    }

    public void setName(String name) {
        this.name = name;
    }

    public void reset() {
    }

    public void deposit(long amount) {
        deposit(amount, DEFAULT);
    }

    public void deposit(long amount, int fee) {
        balance = balance + amount - fee;
    }

    @Override
    public String toString() {
        return "Account " + name;
    }

    public String label() {
        return getId().toString();
    }

    public String shortLabel() {
        return getId().toString().substring(1);
    }

    public Integer getId() {
        return id;
    }
}
