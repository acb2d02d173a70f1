class Notation {
    private String authorname;

    Notation() {
        authorname = Configuration.getString(Argo.KEY_USER_FULLNAME);
    }
}
