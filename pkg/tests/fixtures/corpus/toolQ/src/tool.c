/* toolQ: harmless-looking helper. */
int add_numbers(int a, int b) {
    return a + b;
}
