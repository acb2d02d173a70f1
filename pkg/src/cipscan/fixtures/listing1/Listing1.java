import java.util.ArrayList;
import java.util.List;

abstract class RiskChecker {
    private static final int RISK_THRESHOLD = 1;
    protected Patient patient;
    protected HealthRecord currentHealthRecord;

    protected abstract List<PatientRiskFactor> getDiseaseRiskFactors();

    public boolean isAtRisk() {
        int numRisks = 0;
        List<PatientRiskFactor> factors = getDiseaseRiskFactors();
        for (PatientRiskFactor factor : factors) {
            if (factor.hasRiskFactor())
                numRisks++;
            if (numRisks >= RISK_THRESHOLD)
                return true;
        }
        return false;
    }
}

class Type2DiabetesRisks extends RiskChecker {
    protected List<PatientRiskFactor> getDiseaseRiskFactors() {
        List<PatientRiskFactor> factors = new ArrayList<>();
        factors.add(new AgeFactor(patient, 45));
        factors.add(new WeightFactor(currentHealthRecord, 25));
        factors.add(new HypertensionFactor(currentHealthRecord));
        factors.add(new CholesterolFactor(currentHealthRecord));
        return factors;
    }
}

abstract class PatientRiskFactor {
    public boolean hasRiskFactor() {
        return hasFactor();
    }

    protected abstract boolean hasFactor();
}

class AgeFactor extends PatientRiskFactor {
    private Patient patient;
    private int age;

    public AgeFactor(Patient patient, int age) {
        this.patient = patient;
        this.age = age;
    }

    public boolean hasFactor() {
        return patient.getAge() > age;
    }
}

class WeightFactor extends PatientRiskFactor {
    private HealthRecord record;
    private double threshold;

    public WeightFactor(HealthRecord record, double threshold) {
        this.record = record;
        this.threshold = threshold;
    }

    public boolean hasFactor() {
        return record.getBodyMassIndex() >= threshold;
    }
}

class HypertensionFactor extends PatientRiskFactor {
    private HealthRecord record;

    public HypertensionFactor(HealthRecord record) {
        this.record = record;
    }

    public boolean hasFactor() {
        return record.isHypertensive();
    }
}

class CholesterolFactor extends PatientRiskFactor {
    private HealthRecord record;

    public CholesterolFactor(HealthRecord record) {
        this.record = record;
    }

    public boolean hasFactor() {
        return record.getCholesterol() > record.getCholesterolLimit();
    }
}

class Patient {
    private int age;

    public int getAge() {
        return age;
    }
}

class HealthRecord {
    private double bodyMassIndex;
    private boolean hypertensive;
    private int cholesterol;
    private int cholesterolLimit;

    public double getBodyMassIndex() {
        return bodyMassIndex;
    }

    public boolean isHypertensive() {
        return hypertensive;
    }

    public int getCholesterol() {
        return cholesterol;
    }

    public int getCholesterolLimit() {
        return cholesterolLimit;
    }
}
