#include <cstdio>

#include "cliffspec/version.hpp"

int main() {
    std::printf("cliffspec %s\n", cliffspec::kVersion);
    return 0;
}
