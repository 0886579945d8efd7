int x;
int f(int x) {
  return y;
}
