volatile int v = 0;
int main(void) {
  return v;
}
