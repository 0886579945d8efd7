int main(void) {
  return printf(65) + printf(66);
}
