import java.util.Iterator;

class Ordering<E> {
    public E min(Iterator<E> iterator) {
        E minSoFar = iterator.next();
        while (iterator.hasNext()) {
            minSoFar = pick(minSoFar, iterator.next());
        }
        return minSoFar;
    }

    private E pick(E a, E b) {
        return a;
    }
}
