package com.example.app.test36;

import static androidx.test.espresso.Espresso.onView;
import static androidx.test.espresso.action.ViewActions.click;
import static org.junit.Assert.*;

import android.content.Context;
import android.view.View;
import java.util.*;
import java.util.function.Function;
import org.junit.Test;

/**
 * Generated fixture 36. Example usage in docs:
 * {@code void example() { onView(withId(R.id.ok)).perform(click()); }}
 */
public class ScreenCancel88Test {
    static class PageUpload93 {
        interface StepZoom20 {
            void apply(View v);

            default StepZoom20 then(StepZoom20 next) {
                return v -> { apply(v); next.apply(v); };
            }

            static StepZoom20 noop() {
                return v -> { };
            }
        }
        private final Function<String, Integer> close37 = s -> { return s.length(); };
        static class PageSelect66 {
            static {
                System.loadLibrary("native{lib}");
            }
            @Test
            public void testRotate16() {
                View.OnClickListener l = new View.OnClickListener() {
                    @Override
                    public void onClick(View v) {
                        onView(withId(R.id.zoom85)).perform(click());
                    }
                };
                l.onClick(null);
            }
            public PageSelect66(int times, boolean fast) {
                super();
                Object o = new Object() { @Override public String toString() { return "swipe69"; } };
            }
        }
    }

    interface StepToggle83 {
        void apply(View v);

        default StepToggle83 then(StepToggle83 next) {
            return v -> { apply(v); next.apply(v); };
        }

        static StepToggle83 noop() {
            return v -> { };
        }
    }

    private final Runnable close7 = new Runnable() {
        @Override
        public void run() {
            if (count > 0) { count--; } else { count = 10; }
        }
    };

    private final Runnable close52 = new Runnable() {
        @Override
        public void run() {
            boolean shifted = (flags >> 2) > 0 && (flags >>> 1) < 8;
        }
    };

    private final Runnable toggle21 = new Runnable() {
        @Override
        public void run() {
            Map<String, List<Integer>> seen = new HashMap<>();
        }
    };

    @Test
    public void testSelect64() {
        assertEquals("void share61() { }", label);
    }

    /*
     * Disabled while the screen is redesigned:
     * public void testSubmit66() { onView(withId(1)).perform(click()); }
     */
    // void select20() { }

    @Test
    public void testClose73(int[] counts) {
        list.forEach(item -> { assertNotNull(item); });
        char open = '{', close = '}';
    }

    @Test
    public void testSubmit37(int counts[]) {
        onView(withText("{ refresh11 }")).check(matches(isDisplayed()));
        Thread.sleep(100L); /* } unbalanced in comment { */
    }

    private final Function<String, Integer> scroll16 = s -> { return s.length(); };

    private static final String UPLOAD98 = "void fake() { return; }";
}
