#pragma once

#include <filesystem>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "padicfs/json_io.hpp"

namespace padicfs {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitUncertified = 2, kExitVerification = 3 };

/// Runs one command line (without the program name). Output goes to `out`, diagnostics to `err`.
int runCommand(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Random exact test function: 1..maxBalls balls at levels 0..maxLevel inside Z_p^n with small
/// rational coefficients. Fully determined by the generator state.
ExactSB randomTestFunction(std::mt19937_64& rng, long p, int n, int maxBalls, long maxLevel);

/// "c1,..,cn@e".
Ball parseBall(const std::string& text, long p);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view data);

/// One JSON file per top-level zeta ball, named by the hash of the versioned key; writes go
/// through a temporary file and a rename.
class DiskZetaStore : public ZetaStore {
 public:
  explicit DiskZetaStore(std::filesystem::path dir);
  std::optional<ZetaResult> load(const std::string& key) override;
  void save(const std::string& key, const ZetaResult& result) override;

 private:
  std::filesystem::path pathFor(const std::string& key) const;
  std::filesystem::path dir_;
};

}  // namespace padicfs
