from setuptools import setup, find_packages

setup(
    name="virtual-knot-lab",
    version="0.3.0",
    description="Exact biquandle switches over quaternion algebras and determinant invariants of virtual knots",
    author="Nurwell",
    author_email="",
    package_dir={"": "src"},
    packages=find_packages(where="src"),
    package_data={
        "virtual_knot_lab": ["fixtures/*.vkd", "config/knots.json"],
    },
    include_package_data=True,
    install_requires=[
        "sympy>=1.12",
        "typer>=0.9.0",
        "rich>=13.0.0",
        "pydantic>=2.0.0",
        "pydantic-settings>=2.0.0",
        "jinja2>=3.1.0",
        "python-dotenv>=1.0.0",
    ],
    extras_require={
        "dev": [
            "pytest>=7.0.0",
            "pytest-cov>=4.0.0",
            "hypothesis>=6.80.0",
            "black>=23.0.0",
            "mypy>=1.0.0",
            "isort>=5.0.0",
        ]
    },
    entry_points={
        "console_scripts": [
            "vkl=virtual_knot_lab.main:app",
        ],
    },
    python_requires=">=3.9",
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Programming Language :: Python :: 3",
        "Operating System :: OS Independent",
    ],
)
