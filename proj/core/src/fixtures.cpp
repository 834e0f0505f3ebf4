#include "limcurve/limiting_curve.hpp"

namespace limcurve {

// First-run output of bridge_experiment, q = 3/4, grid 2^10, r = 4, 8, 12.
// Seeds 0-3 and 5 are the first five whose 8192-bit register holds a run of 12 zeros
// early enough for the guard; seed 42 needs 16384 bits.
const std::vector<BridgeFixture>& bridge_fixtures() {
  static const std::vector<BridgeFixture> fixtures = {
      {0, "3/4", 8192, 10, {4, 8, 12}, {"0.79891083909391969", "0.13679479994042162", "0.017444423400589291"}},
      {1, "3/4", 8192, 10, {4, 8, 12}, {"0.69710757288446734", "0.14066955423798752", "0.014128723970697327"}},
      {2, "3/4", 8192, 10, {4, 8, 12}, {"0.62066139692201161", "0.14534050505388699", "0.016530034039154335"}},
      {3, "3/4", 8192, 10, {4, 8, 12}, {"0.79490988649098848", "0.14345369973233418", "0.014473692235881533"}},
      {5, "3/4", 8192, 10, {4, 8, 12}, {"0.69700973071551409", "0.15832000437830676", "0.01761264213752041"}},
      {42, "3/4", 16384, 10, {4, 8, 12}, {"0.61226163729841154", "0.15311857767879411", "0.0099116360402637244"}},
  };
  return fixtures;
}

}  // namespace limcurve
