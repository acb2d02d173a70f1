class Buffer {
    private boolean dirty;

    public boolean isDirty() {
        return dirty;
    }

    public void setDirty(boolean d) {
        this.dirty = d;
    }
}
