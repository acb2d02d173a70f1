class HttpEntity {
    private boolean repeatable;

    public boolean isRepeatable() {
        return repeatable;
    }
}

class Request {
    private HttpEntity entity;

    public HttpEntity getEntity() {
        return entity;
    }
}

class RequestEntityProxy {
    static boolean isRepeatable(Request request) {
        return request.getEntity().isRepeatable();
    }
}
