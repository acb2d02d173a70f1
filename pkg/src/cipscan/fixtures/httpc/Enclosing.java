class EntityEnclosingRequestWrapper {
    void prepare(HttpEntity entity) {
        if (entity != null && entity.isRepeatable()) {
            mark(entity);
        }
    }

    void mark(HttpEntity entity) {
    }
}

class BasicRequestBuilder {
    void copy(HttpEntity entity) {
        if (entity != null && entity.isRepeatable()) {
            keep(entity);
        }
    }

    void keep(HttpEntity entity) {
    }
}

class BufferedEntityCheck {
    void wrap(HttpEntity entity) {
        if (entity != null && entity.isRepeatable()) {
            buffer(entity);
        }
    }

    void buffer(HttpEntity entity) {
    }
}
