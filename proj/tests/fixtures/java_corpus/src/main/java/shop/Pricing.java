package shop;

public interface Pricing {
    double price(int qty);

    double discount();

    default double total(int qty) {
        return price(qty) * (1.0 - discount());
    }
}
