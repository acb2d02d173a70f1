class Launcher {
    String classname;

    void init() {
        classname = DefaultExecutor.class.getName();
    }
}
