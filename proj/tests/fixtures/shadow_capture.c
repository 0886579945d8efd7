int x;
int f(int y) {
  return y + x;
}
