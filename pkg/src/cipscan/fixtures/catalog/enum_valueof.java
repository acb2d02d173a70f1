class BufferSet {
    enum Scope { global, view, editpane }
}

class BufferSetManager {
    BufferSet.Scope scope() {
        return BufferSet.Scope.valueOf(jEdit.getProperty("bufferset.scope", "global"));
    }
}
