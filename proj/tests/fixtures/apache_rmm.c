#ifdef APR_HAS_SHARED_MEMORY
struct apr_rmm_t *rmm_lock;
#endif

void util_ldap_cache_init(int st)
{
#ifdef APR_HAS_SHARED_MEMORY
    st = apr_rmm_create(rmm_lock);
#endif
}
