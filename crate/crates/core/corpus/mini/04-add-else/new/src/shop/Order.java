package shop;

import java.util.List;

public class Order {
    private int total;
    private List<Item> items;

    public Order(List<Item> items) {
        this.items = items;
    }

    void refresh() {
        if (items.isEmpty()) {
            total = 0;
        } else {
            total = sum(items);
        }
        notifyListeners();
    }
}
