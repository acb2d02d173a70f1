class Loader {
    void load(String name) {
        if(name == null) {
            fail();
        }
    }

    void fail() {
    }
}
