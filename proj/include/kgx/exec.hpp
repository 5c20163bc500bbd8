#pragma once

namespace kgx {

// Kernel execution policy. The serial path is the reference implementation;
// parallel runs produce bit-identical results because each loop writes to a
// private slot and reductions happen serially afterwards.
enum class Exec { serial, parallel };

} // namespace kgx
