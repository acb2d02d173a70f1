class Editor {
    void refresh(Buffer buffer) {
        if(buffer.isModified) {
            redraw();
        }
    }

    void redraw() {
    }
}
