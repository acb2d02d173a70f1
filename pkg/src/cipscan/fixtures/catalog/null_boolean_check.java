class Menu {
    void save(Action saveAction) {
        if (saveAction != null && saveAction.isEnabled()) {
            perform();
        }
    }

    void perform() {
    }
}
