import static org.example.Onset.*;

class Classifier {
    void label(Onset onset) {
        if(onset == EMERGENT) { mark(); } else if(onset == IMPULSIVE) { mark(); } else if(onset == QUESTIONABLE) { mark(); }
    }

    void mark() {
    }
}
