from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

ext = Pybind11Extension(
    "tetrablock._core",
    sources=[
        "python/bindings.cpp",
        "src/costmodel.cpp",
        "src/simulator.cpp",
        "src/bench.cpp",
        "src/io.cpp",
    ],
    include_dirs=["include", "vendor"],
    cxx_std=20,
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
