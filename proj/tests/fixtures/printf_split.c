int main(void) {
  int r1;
  int r2;
  r1 = printf(65);
  r2 = printf(66);
  return r1 + r2;
}
