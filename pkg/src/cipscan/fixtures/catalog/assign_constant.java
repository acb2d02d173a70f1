class Poller {
    int refreshInterval;

    void reset() {
        refreshInterval = 15;
    }
}
