class Spectrogram {
    double maxFreq;

    void check(Wave wave) {
        if(maxFreq > wave.getNyquist()) {
            clamp();
        }
    }

    void clamp() {
    }
}
