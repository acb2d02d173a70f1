class MainClientExec {
    void execute(Request request) {
        if (RequestEntityProxy.isRepeatable(request)) {
            retry(request);
        }
    }

    void retry(Request request) {
    }
}

class ProtocolExec {
    void execute(Request request) {
        if (RequestEntityProxy.isRepeatable(request)) {
            rewind(request);
        }
    }

    void rewind(Request request) {
    }
}

class RedirectExec {
    void execute(Request request) {
        if (RequestEntityProxy.isRepeatable(request)) {
            follow(request);
        }
    }

    void follow(Request request) {
    }
}

class RetryExec {
    void execute(Request request) {
        if (RequestEntityProxy.isRepeatable(request)) {
            again(request);
        }
    }

    void again(Request request) {
    }
}
