class HttpHost {
    int defaultPort() {
        return 80;
    }
}
