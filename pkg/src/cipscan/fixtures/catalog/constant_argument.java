class Options {
    void apply(Settings settings) {
        settings.setShowVisibilities(false);
    }
}
