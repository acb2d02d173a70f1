class Settings {
    double spectrogramMaxFreq;
}

class Wave {
    private int sampleRate;

    public double getNyquist() {
        return sampleRate / 2.0;
    }
}

class SpectrogramFrame {
    private Settings settings;
    private Wave wave;

    public void update() {
        processSettings();
    }

    private void processSettings() {
        if (settings.spectrogramMaxFreq > wave.getNyquist()) {
            settings.spectrogramMaxFreq = wave.getNyquist();
        }
    }
}
