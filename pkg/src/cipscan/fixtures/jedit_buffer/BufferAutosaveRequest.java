class BufferAutosaveRequest {
    void run(Buffer buffer) {
        if (buffer.isDirty()) {
            autosave(buffer);
        }
    }

    void autosave(Buffer b) {
    }
}
