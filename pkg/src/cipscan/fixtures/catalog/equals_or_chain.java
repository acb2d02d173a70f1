class Switches {
    boolean enabled(String option) {
        return option.equals("true") || option.equals("on") || option.equals("yes");
    }
}
