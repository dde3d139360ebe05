#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace phylo {

// Stable machine-readable failure codes surfaced through the CLI.
enum class Code {
  NotSimple,
  Disconnected,
  BadDegree,
  UnlabeledLeaf,
  DuplicateLabel,
  BadLabel,
  NotACutEdge,
  InvalidTarget,
  NegativeLength,
  NotPartitionable,
  BadSize,
  InconsistentChains,
  NotACherry,
  NoPendantChain,
  NoValidReattachment,
  AmbiguousArrangement,
  NotRealizableLevel1,
  NotRealizableLevel2,
  NotRealizable,
  UnknownFixture,
  BudgetExceeded,
  ParseError,
  Internal,
};

const char* code_name(Code c);

// Pipeline stage tags used in diagnostics: "stage=pendant_l1 cell=(a,b)".
enum class Stage {
  none,
  parse,
  validate,
  cherry,
  single_blob,
  off_blob,
  pendant_l1,
  pendant_l2_k000,
  pendant_l2_kl00,
  cag,
  arrangement,
  small_base,
  verify,
  enumeration,
  fixture,
  internal,
};

const char* stage_name(Stage s);

using Cell = std::pair<std::string, std::string>;

class Error : public std::runtime_error {
 public:
  Error(Code code, std::string msg, Stage stage = Stage::none,
        std::optional<Cell> cell = std::nullopt);

  Code code() const { return code_; }
  Stage stage() const { return stage_; }
  const std::optional<Cell>& cell() const { return cell_; }

  // "code=NotRealizableLevel2 stage=pendant_l1 cell=(a,b): message"
  std::string diagnostic() const;

 private:
  Code code_;
  Stage stage_;
  std::optional<Cell> cell_;
};

}  // namespace phylo
