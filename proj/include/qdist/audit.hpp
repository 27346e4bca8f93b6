#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qdist/constants.hpp"

namespace qdist {

enum class AuditStatus { pass, note, discrepancy };
/// self_consistency compares two independent computations of one quantity;
/// published_value compares a quoted closed form or number against an oracle.
enum class AuditKind { self_consistency, published_value };

std::string to_string(AuditStatus s);
std::string to_string(AuditKind k);

struct AuditEntry {
  std::string check;
  std::string description;
  AuditKind kind = AuditKind::self_consistency;
  double implementation = 0.0;
  double oracle = 0.0;
  AuditStatus status = AuditStatus::pass;
  std::string detail;
};

struct AuditSummary {
  int pass = 0;
  int note = 0;
  int discrepancy = 0;
  int self_consistency_discrepancy = 0;
};

/// Runs every closed-form-versus-oracle comparison, in a fixed order. The seed
/// drives the random states and tangents.
std::vector<AuditEntry> run_audit(std::uint64_t seed = 7);
AuditSummary summarize(const std::vector<AuditEntry>& entries);

}  // namespace qdist
