class Version {
    private int major;

    int getMajor() {
        return major;
    }

    void compare(Version that) {
        int delta = getMajor() - that.getMajor(); if (delta == 0);
    }
}
