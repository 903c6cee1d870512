#ifdef CONFIG_FEATURE_LS_SORTFILES
struct dnode **dndirs;
struct dnode **dnd;
#endif

void list_subdirs(int nfiles)
{
    struct dnode **subdnp;
    subdnp = xmalloc(nfiles);
#ifdef CONFIG_FEATURE_LS_RECURSIVE
    dndirs = subdnp;
    dnd = splitdnarray(dndirs);
    free(subdnp);
#endif
#ifdef CONFIG_FEATURE_LS_SORTFILES
    shellsort(dnd, nfiles);
    free(dnd);
#endif
}
