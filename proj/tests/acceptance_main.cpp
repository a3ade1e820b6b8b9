#include <iostream>

#include "qosc/verify.hpp"

int main() {
    const auto results = qosc::verify::run_all();
    return qosc::verify::print_report(results, std::cout);
}
