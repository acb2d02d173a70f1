class Lookup {
    int indexOf(String[] values, String value) {
        for (int i = 0; i < values.length; i++) {if (value.equals(values[i])) {return i;}} return -1;
    }
}
