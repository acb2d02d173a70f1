class Numbers {
    void classify(double d) {
        int id = (int)d; if (id == d) { integral(); }
    }

    void integral() {
    }
}
