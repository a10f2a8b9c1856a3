#include <cstdio>
int main() { std::puts("petmin: placeholder"); return 0; }
