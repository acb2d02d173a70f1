class Text {
    boolean blank(String string) {
        return string == null || string.equals("");
    }
}
