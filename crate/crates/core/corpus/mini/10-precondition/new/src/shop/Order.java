package shop;

import java.util.List;

public class Order {
    private int total;
    private List<Item> items;

    public Order(List<Item> items) {
        this.items = items;
    }

    void addAll(List<Item> more) {
        if (items == null) {
            items = new ArrayList<>();
        }
        items.addAll(more);
    }
}
