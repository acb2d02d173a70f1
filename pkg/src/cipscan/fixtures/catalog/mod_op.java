class Calendar {
    int dayOfWeek(long daysSince19700101) {
        return (int) (daysSince19700101 % 7);
    }
}
