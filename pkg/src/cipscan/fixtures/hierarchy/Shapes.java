interface Shape {
    double area();
}

class Square implements Shape {
    private double side;

    public double area() {
        return side * side;
    }
}

class Circle implements Shape {
    private double radius;

    public double area() {
        return Math.PI * radius * radius;
    }
}

class Canvas {
    double total(Shape shape) {
        return shape.area();
    }
}
