class Cycle {
    private int limit;

    public int start(int n) {
        return ping(n);
    }

    int ping(int n) {
        if (pong(n - 1) > limit) {
            limit++;
        }
        return n;
    }

    int pong(int n) {
        if (ping(n + 1) > limit) {
            limit--;
        }
        return n;
    }
}
