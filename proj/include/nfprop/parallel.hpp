#pragma once

namespace nfprop {

/// Worker count for the engines: `requested` when positive, else the
/// NFPROP_THREADS environment variable, else the OpenMP default.
int resolve_threads(int requested = 0);

}  // namespace nfprop
