// Placeholder main; the full CLI lands with the command implementations.
int main() { return 0; }
