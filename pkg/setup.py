from setuptools import setup, find_packages

# Read requirements.txt, ignore comments
try:
    with open("requirements.txt", "r") as f:
        REQUIRES = [line.split("#", 1)[0].strip() for line in f if line.split("#", 1)[0].strip()]
except OSError:
    print("'requirements.txt' not found!")
    REQUIRES = list()

setup(
    name="mbgg",
    version="0.1.0",
    include_package_data=True,
    packages=find_packages(exclude=["tests", "tests.*"]),
    package_data={"mbgg.gadgets": ["data/*.gadgets"]},
    install_requires=REQUIRES,
    extras_require={"dev": ["pytest>=7.4.0"]},
    entry_points={"console_scripts": ["mbgg=mbgg.cli:main"]},
    description="Reduction from Generalized Geography to rank-5 Maker-Breaker games, with exact solvers",
    long_description=open("README.md", encoding="utf-8").read(),
    long_description_content_type="text/markdown",
    license="MIT",
    classifiers=[
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: Implementation :: CPython",
    ],
    keywords="Maker-Breaker, positional games, Generalized Geography, PSPACE reductions",
    platforms=["any"],
    python_requires=">=3.10, <3.13",
)
