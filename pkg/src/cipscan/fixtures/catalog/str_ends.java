class FileChooser {
    boolean accept(String name, Filter defaultFilter) {
        return name.toLowerCase().endsWith("." + defaultFilter.getSuffix());
    }
}
