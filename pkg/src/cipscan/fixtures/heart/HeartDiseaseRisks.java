import java.util.ArrayList;
import java.util.List;

class HeartDiseaseRisks extends RiskChecker {
    protected List<PatientRiskFactor> getDiseaseRiskFactors() {
        List<PatientRiskFactor> factors = new ArrayList<>();
        factors.add(new HeartAgeFactor(patient, 45));
        factors.add(new HypertensionFactor(currentHealthRecord));
        return factors;
    }
}

class HeartAgeFactor extends PatientRiskFactor {
    private Patient patient;
    private int age;

    public HeartAgeFactor(Patient patient, int age) {
        this.patient = patient;
        this.age = age;
    }

    public boolean hasFactor() {
        return patient.getAge() > age;
    }
}
