int x = 1;
void main(void) {
  int y;
  x = x + 1;
  y = 1;
  y = y + 1;
}
