package shop;

import java.util.List;

public class Order {
    private int total;
    private List<Item> items;

    public Order(List<Item> items) {
        this.items = items;
    }

    void addItem(Item item) {
        if (item == null) {
            return;
        }
        items.add(item);
        total += item.price();
    }
}
