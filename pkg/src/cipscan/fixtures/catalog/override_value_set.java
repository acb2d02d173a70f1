abstract class FileType {
    public abstract String getExtension();
}

class XmlFileType extends FileType {
    public String getExtension() {
        return "xml";
    }
}

class TextFileType extends FileType {
    public String getExtension() {
        return "txt";
    }
}
