#include <chaoscope/chaoscope.hpp>
int main() { return 0; }
