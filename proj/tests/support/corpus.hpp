#pragma once

#include <string>
#include <vector>

#include "oma/adversary.hpp"

namespace corpus {

struct Entry {
  std::string label;
  oma::Adversary d;
};

// Every catalog family instance with n <= 3.
std::vector<Entry> catalog();
// Seeded random adversaries with n = 3 and 1..3 graphs.
std::vector<Entry> random(int count = 210);
std::vector<Entry> all();

}  // namespace corpus
