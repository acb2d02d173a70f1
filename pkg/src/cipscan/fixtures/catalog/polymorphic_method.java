interface Scriptable {
    Object getDefaultValue();
}

class Converter {
    Object convert(Scriptable scriptable) {
        return scriptable.getDefaultValue();
    }
}
