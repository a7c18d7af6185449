// placeholder while the library is built bottom-up; replaced by the real CLI
int main() { return 0; }
