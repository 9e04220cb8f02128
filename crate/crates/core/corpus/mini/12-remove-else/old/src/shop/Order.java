package shop;

import java.util.List;

public class Order {
    private int total;
    private List<Item> items;

    public Order(List<Item> items) {
        this.items = items;
    }

    void report() {
        if (total > 0) {
            log.info(total);
        } else {
            log.info("empty");
        }
    }
}
