enum ExtensionType { JAR, WAR }

class Extensions {
    ExtensionType find(String name) {
        ExtensionType[] values = ExtensionType.values();
        for (ExtensionType value : values) {if (name.equals(value.name())) { return value; } }
        return null;
    }
}
