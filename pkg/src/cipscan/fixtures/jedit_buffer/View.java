class View {
    private boolean closing;

    void confirmClose(Buffer buffer) {
        if (!buffer.isDirty()) {
            closing = buffer != null;
        }
    }
}
