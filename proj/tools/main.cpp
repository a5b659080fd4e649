#include "cli.hpp"

int main(int argc, char** argv) {
  const auto parsed = dislospec::cli::parse_args(argc, argv);
  if (!parsed.config) return parsed.exit_code;
  return dislospec::cli::run(*parsed.config);
}
