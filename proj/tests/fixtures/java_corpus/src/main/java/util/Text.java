package util;

import java.util.List;

public abstract class Text {
    protected String value;

    protected abstract int size();

    public String toString() {
        return value;
    }

    public static String join(String[] parts, char sep) {
        StringBuilder sb = new StringBuilder();
        for (int i = 0; i < parts.length; i++) {
            if (i > 0) {
                sb.append(sep);
            }
            sb.append(parts[i]);
        }
        return sb.toString();
    }

    public int count(List<String> xs) {
        return (int) xs.stream().filter(x -> x.isEmpty()).count();
    }

    public static <T> T first(T... xs) {
        return xs.length == 0 ? null : xs[0];
    }

    public Text trimmed() {
        value = value.trim().toLowerCase().intern();
        return this;
    }
}
