#include <iostream>
#include "qpd/examples.hpp"
int main(){ std::cout << "acceptance placeholder\n"; return 0; }
