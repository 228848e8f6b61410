#include "cli_app.hpp"

int main(int argc, char** argv)
{
    return smplab::cli::run_cli(argc, argv, std::cout, std::cerr);
}
