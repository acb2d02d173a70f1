import static org.example.Flags.NEW_FILE;

class FileWatcher {
    boolean isNew(int flag) {
        return flag & NEW_FILE == NEW_FILE;
    }
}
