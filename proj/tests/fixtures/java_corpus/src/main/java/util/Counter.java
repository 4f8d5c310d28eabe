package util;

public class Counter {
    private int hits;

    public Counter(int start) {
        super();
        hits = start;
    }

    public void hit() { hits++; }

    public int hits() {
        return this.hits;
    }

    public void add(int n) {
        // bump by n
        hits += n;

        /* twice when negative */
        if (n < 0) hits += n;
    }

    public static void main(String[] args) {
        Counter c = new Counter(args.length);
        c.hit();
        System.out.println(c.hits());
    }
}
