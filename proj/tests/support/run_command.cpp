#include "run_command.hpp"

#include <array>
#include <cstdio>
#include <memory>
#include <stdexcept>

#include <sys/wait.h>

namespace spinnet::testing {

CommandResult run_command(const std::string& command_line) {
  auto closer = [](FILE* f) { return pclose(f); };
  std::unique_ptr<FILE, decltype(closer)> pipe(popen(command_line.c_str(), "r"), closer);
  if (!pipe) throw std::runtime_error("popen failed: " + command_line);
  CommandResult r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe.get())) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe.release());
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace spinnet::testing
