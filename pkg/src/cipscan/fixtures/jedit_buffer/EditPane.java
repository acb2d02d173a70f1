class EditPane {
    void close(Buffer buffer) {
        if (buffer.isDirty()) {
            save(buffer);
        }
    }

    void save(Buffer b) {
    }
}
