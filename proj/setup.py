from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

ext = Pybind11Extension(
    "nle._nle",
    sources=[
        "src/util.cpp",
        "src/kernels.cpp",
        "src/grid.cpp",
        "src/energy.cpp",
        "src/fast_energy.cpp",
        "src/minimize.cpp",
        "src/experiments.cpp",
        "src/config.cpp",
        "python/module.cpp",
    ],
    include_dirs=["src", "vendor"],
    libraries=["fftw3"],
    cxx_std=20,
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
