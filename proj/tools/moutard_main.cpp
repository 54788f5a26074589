#include "moutard/report.hpp"

int main(int argc, char** argv) {
    return moutard::run_cli(argc, argv);
}
