from setuptools import setup, find_packages

setup(
    name="badapt",
    version="0.1.0",
    description=(
        "Numerical toolkit for Besov and Kondratiev regularity of parabolic "
        "problems on polygonal domains, and the case for adaptive approximation"
    ),
    author="Chris Hoy",
    license="MIT",
    packages=find_packages(exclude=["tests", "tests.*"]),
    install_requires=[
        "numpy>=1.24",
        "scipy>=1.12",
        "PyWavelets>=1.4",
        "shapely>=2.0",
        "python-dotenv",
    ],
    extras_require={"test": ["pytest"]},
    entry_points={"console_scripts": ["badapt=src.main:main"]},
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.13",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    python_requires=">=3.9",
)
