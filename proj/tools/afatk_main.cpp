#include <cstdio>
int main(){ std::puts("afatk"); return 0; }
