from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
    ext_modules = cythonize(
        [Extension("agstar.linalg._elim",
                   ["src/agstar/linalg/_elim.pyx"],
                   extra_compile_args=["-O3"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    # pure-Python kernel is selected at import when the extension is absent
    ext_modules = []

setup(ext_modules=ext_modules)
