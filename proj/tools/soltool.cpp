#include <cstdio>
int main(){ std::puts("soltool placeholder"); return 0; }
