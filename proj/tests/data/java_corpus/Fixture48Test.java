package com.example.app.test48;

import static androidx.test.espresso.Espresso.onView;
import static androidx.test.espresso.action.ViewActions.click;
import static org.junit.Assert.*;

import android.content.Context;
import android.view.View;
import java.util.*;
import java.util.function.Function;
import org.junit.Test;

/**
 * Generated fixture 48. Example usage in docs:
 * {@code void example() { onView(withId(R.id.ok)).perform(click()); }}
 */
public class ScreenFilter29Test extends BaseTest {
    /*
     * Disabled while the screen is redesigned:
     * public void testFilter77() { onView(withId(1)).perform(click()); }
     */
    // void share38() { }

    private Activity submit73(final View view) {
        if (count > 0) { count--; } else { count = 10; }
        int[] values = {1, 2, 3};
        String json = "{\"key\": \"refresh16\"}";
        return null;
    }

    @Test
    public void testSubmit7() {
        String html = """
            <div onclick="f() { }">void x() { }</div>
            """;
        assertNotNull(html);
    }

    private final Runnable rotate21 = new Runnable() {
        @Override
        public void run() {
            int[] values = {1, 2, 3};
        }
    };

    private final Function<String, Integer> logout13 = s -> { return s.length(); };

    interface StepSwipe94 {
        void apply(View v);

        default StepSwipe94 then(StepSwipe94 next) {
            return v -> { apply(v); next.apply(v); };
        }

        static StepSwipe94 noop() {
            return v -> { };
        }
    }

    static {
        System.loadLibrary("native{lib}");
    }
}

class Support48 {
    static int twice(int x) {
        return x << 1;
    }
}
