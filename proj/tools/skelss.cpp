// Placeholder main; subcommands land once the evolution engine exists.
int main() { return 0; }
