#include <nlpev.h>
#include <cstdio>
int main() { std::printf("%s\n", nlpev_version()); return 0; }
