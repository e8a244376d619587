#!/usr/bin/env python3
"""
Packaging for factn
Runtime dependencies are read from requirements.txt; the test and
development tools are left to `pip install -r requirements.txt`.
"""
from pathlib import Path

from setuptools import find_packages, setup

HERE = Path(__file__).resolve().parent

RUNTIME = ("python-dotenv", "pydantic", "pydantic-settings", "python-json-logger")


def read_requirements():
    """Pinned runtime requirements, comments and tooling skipped"""
    lines = (HERE / "requirements.txt").read_text(encoding="utf-8").splitlines()
    pins = [line.strip() for line in lines if line.strip() and not line.startswith("#")]
    return [pin for pin in pins if pin.split("==")[0] in RUNTIME]


def read_version():
    for line in (HERE / "factn" / "__init__.py").read_text(encoding="utf-8").splitlines():
        if line.startswith("__version__"):
            return line.split("=")[1].strip().strip('"')
    raise RuntimeError("no __version__ in factn/__init__.py")


setup(
    name="factn",
    version=read_version(),
    description="Exact toolkit for n-fold factorizations of a natural transformation",
    long_description=(HERE / "README.md").read_text(encoding="utf-8"),
    long_description_content_type="text/markdown",
    python_requires=">=3.9",
    packages=find_packages(include=["factn", "factn.*"]),
    install_requires=read_requirements(),
    extras_require={"test": ["pytest==7.4.3", "hypothesis==6.92.1"]},
    entry_points={"console_scripts": ["factn=factn.main:main"]},
)
