package org.sample.shop;

import static androidx.test.espresso.Espresso.onView;
import static androidx.test.espresso.action.ViewActions.click;
import org.junit.Test;

public class CartScreenTest {
    private final int retries;

    public CartScreenTest() {
        retries = 2;
    }

    @Test
    public void addsItem() {
        onView(withId(R.id.add)).perform(click());
        assertEquals(1, cart.size());
    }

    @Test
    public void removesItem(int index) {
        cart.remove(index); // drop one
        assertTrue(cart.isEmpty());
    }

    @Test
    public void removesItem(String sku) {
        cart.remove(sku);
    }

    static class Fixture {
        void seed() {
            cart.add("{ not a brace }");
        }
    }
}
