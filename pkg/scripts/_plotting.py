import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def scatter_pair(sample, coords, title, path):
    fig = plt.figure(figsize=(10, 4.5))
    ax = fig.add_subplot(1, 2, 1, projection="3d")
    ax.scatter(*sample.data, c=sample.params[0], s=5, cmap="viridis")
    ax.set_title(f"{sample.kind}, n={sample.n}")
    ax = fig.add_subplot(1, 2, 2)
    ax.scatter(coords[0], coords[1], c=sample.params[0], s=5, cmap="viridis")
    ax.set_aspect("equal")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
