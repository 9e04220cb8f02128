package shop;

import java.util.List;

public class Order {
    private int total;
    private List<Item> items;

    public Order(List<Item> items) {
        this.items = items;
    }

    int shippingDays(int kind) {
        switch (kind) {
            case 1:
                return 5;
            case 2:
                return 1;
            default:
                return 10;
        }
    }
}
