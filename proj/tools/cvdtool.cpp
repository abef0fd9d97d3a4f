#include <iostream>

int main() {
  std::cerr << "cvdtool: cli not wired yet\n";
  return 1;
}
