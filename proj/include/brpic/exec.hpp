#pragma once

namespace brpic {

// Serial is the reference path; Parallel uses OpenMP where a kernel has one.
enum class Exec { Serial, Parallel };

}  // namespace brpic
