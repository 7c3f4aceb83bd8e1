"""Value types: exact scalars, diagrams, algebra elements, sparse matrices, partitions."""
