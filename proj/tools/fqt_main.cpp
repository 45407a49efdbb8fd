#include <iostream>

int main() {
    std::cout << "fqt: placeholder\n";
    return 0;
}
