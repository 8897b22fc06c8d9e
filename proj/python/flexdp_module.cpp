#include <pybind11/pybind11.h>
PYBIND11_MODULE(flexdp, m) { m.doc() = "flexdp"; }
