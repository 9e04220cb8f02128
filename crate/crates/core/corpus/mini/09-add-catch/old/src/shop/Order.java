package shop;

import java.util.List;

public class Order {
    private int total;
    private List<Item> items;

    public Order(List<Item> items) {
        this.items = items;
    }

    void save(Store store) {
        try {
            store.write(this);
        } catch (IOException e) {
            log.warn(e);
        }
    }
}
