#include <nlpev.h>
int main() { return 0; }
