class BufferHandler {
    void handle(int state) {
        switch(state) {case Buffer.FILE_CHANGED: reload(); break; default: break;}
    }

    void reload() {
    }
}
