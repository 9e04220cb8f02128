package shop;

import java.util.List;

public class Order {
    private int total;
    private List<Item> items;

    public Order(List<Item> items) {
        this.items = items;
    }

    int discount(int amount) {
        if (amount >= 100) {
            return amount / 10;
        }
        return 0;
    }
}
