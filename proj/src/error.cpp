#include "phylodist/error.hpp"

namespace phylo {

const char* code_name(Code c) {
  switch (c) {
    case Code::NotSimple: return "NotSimple";
    case Code::Disconnected: return "Disconnected";
    case Code::BadDegree: return "BadDegree";
    case Code::UnlabeledLeaf: return "UnlabeledLeaf";
    case Code::DuplicateLabel: return "DuplicateLabel";
    case Code::BadLabel: return "BadLabel";
    case Code::NotACutEdge: return "NotACutEdge";
    case Code::InvalidTarget: return "InvalidTarget";
    case Code::NegativeLength: return "NegativeLength";
    case Code::NotPartitionable: return "NotPartitionable";
    case Code::BadSize: return "BadSize";
    case Code::InconsistentChains: return "InconsistentChains";
    case Code::NotACherry: return "NotACherry";
    case Code::NoPendantChain: return "NoPendantChain";
    case Code::NoValidReattachment: return "NoValidReattachment";
    case Code::AmbiguousArrangement: return "AmbiguousArrangement";
    case Code::NotRealizableLevel1: return "NotRealizableLevel1";
    case Code::NotRealizableLevel2: return "NotRealizableLevel2";
    case Code::NotRealizable: return "NotRealizable";
    case Code::UnknownFixture: return "UnknownFixture";
    case Code::BudgetExceeded: return "BudgetExceeded";
    case Code::ParseError: return "ParseError";
    case Code::Internal: return "Internal";
  }
  return "Unknown";
}

const char* stage_name(Stage s) {
  switch (s) {
    case Stage::none: return "none";
    case Stage::parse: return "parse";
    case Stage::validate: return "validate";
    case Stage::cherry: return "cherry";
    case Stage::single_blob: return "single_blob";
    case Stage::off_blob: return "off_blob";
    case Stage::pendant_l1: return "pendant_l1";
    case Stage::pendant_l2_k000: return "pendant_l2_k000";
    case Stage::pendant_l2_kl00: return "pendant_l2_kl00";
    case Stage::cag: return "cag";
    case Stage::arrangement: return "arrangement";
    case Stage::small_base: return "small_base";
    case Stage::verify: return "verify";
    case Stage::enumeration: return "enumeration";
    case Stage::fixture: return "fixture";
    case Stage::internal: return "internal";
  }
  return "none";
}

Error::Error(Code code, std::string msg, Stage stage, std::optional<Cell> cell)
    : std::runtime_error(std::move(msg)), code_(code), stage_(stage), cell_(std::move(cell)) {}

std::string Error::diagnostic() const {
  std::string out = "code=";
  out += code_name(code_);
  if (stage_ != Stage::none) {
    out += " stage=";
    out += stage_name(stage_);
  }
  if (cell_) {
    out += " cell=(" + cell_->first + "," + cell_->second + ")";
  }
  out += ": ";
  out += what();
  return out;
}

}  // namespace phylo
